//! Builders for the concrete categories: sets, graphs, abelian and general
//! groups, Boolean algebras and vector spaces over prime fields, together with
//! their finite coproducts.

mod coproduct;
pub mod laws;
mod rigid;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::{induced_substructure, Signature, Structure, SubUniverse, Symbol};

pub use coproduct::{canonical_quotient, coproduct, verify_coproduct_property, CanonicalQuotient, Coproduct};
pub use rigid::{glue_at_vertex, is_rigid, search_rigid_graph, RigidGraph};

pub const GROUP_MUL: &str = "mul";
pub const GROUP_INV: &str = "inv";
pub const GROUP_UNIT: &str = "e";
pub const BA_JOIN: &str = "join";
pub const BA_MEET: &str = "meet";
pub const BA_COMPLEMENT: &str = "complement";
pub const BA_ZERO: &str = "zero";
pub const BA_ONE: &str = "one";
pub const VS_ADD: &str = "add";
pub const VS_NEG: &str = "neg";
pub const VS_ZERO: &str = "zero";
pub const GRAPH_EDGE: &str = "E";

/// Name of the unary operation "multiply by `c`" in a vector space signature.
pub fn scalar_op(c: usize) -> String {
    format!("smul{c}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CategoryTag {
    Set,
    Graph,
    AbelianGroup,
    Group,
    BooleanAlgebra,
    VectorSpace { p: usize },
}

impl fmt::Display for CategoryTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryTag::Set => f.write_str("set"),
            CategoryTag::Graph => f.write_str("graph"),
            CategoryTag::AbelianGroup => f.write_str("abelian_group"),
            CategoryTag::Group => f.write_str("group"),
            CategoryTag::BooleanAlgebra => f.write_str("boolean_algebra"),
            CategoryTag::VectorSpace { p } => write!(f, "vector_space:{p}"),
        }
    }
}

impl FromStr for CategoryTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "set" => CategoryTag::Set,
            "graph" => CategoryTag::Graph,
            "abelian_group" => CategoryTag::AbelianGroup,
            "group" => CategoryTag::Group,
            "boolean_algebra" => CategoryTag::BooleanAlgebra,
            other => {
                let p = other
                    .strip_prefix("vector_space:")
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| Error::Format(format!("unknown category `{other}`")))?;
                if !is_prime(p) {
                    return Err(Error::Format(format!("vector_space needs a prime field size, got {p}")));
                }
                CategoryTag::VectorSpace { p }
            }
        })
    }
}

/// A named structure family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    EmptySigSet(usize),
    CyclicGroup(usize),
    SymmetricGroup(usize),
    AlternatingGroup(usize),
    DihedralGroup(usize),
    QuaternionGroup,
    PowersetBooleanAlgebra(usize),
    VectorSpace { p: usize, dim: usize },
    /// Undirected: every listed edge is stored in both directions.
    Graph { vertices: usize, edges: Vec<(usize, usize)> },
}

pub const FAMILY_NAMES: &[&str] = &[
    "empty_sig_set",
    "cyclic_group",
    "symmetric_group",
    "alternating_group",
    "dihedral_group",
    "quaternion_group",
    "powerset_boolean_algebra",
    "vector_space",
    "graph",
];

impl Family {
    /// Parses a family name followed by its positional parameters, e.g.
    /// `["vector_space", "2", "3"]` or `["graph", "4", "0-1,1-2,2-3"]`.
    pub fn parse(name: &str, params: &[String]) -> Result<Family> {
        let num = |i: usize| -> Result<usize> {
            let raw = params
                .get(i)
                .ok_or_else(|| Error::Format(format!("`{name}` expects parameter #{}", i + 1)))?;
            raw.parse().map_err(|_| Error::Format(format!("`{name}`: `{raw}` is not a number")))
        };
        let expect = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::Format(format!("`{name}` takes {k} parameter(s), got {}", params.len())))
            }
        };
        Ok(match name {
            "empty_sig_set" => {
                expect(1)?;
                Family::EmptySigSet(num(0)?)
            }
            "cyclic_group" => {
                expect(1)?;
                Family::CyclicGroup(num(0)?)
            }
            "symmetric_group" => {
                expect(1)?;
                Family::SymmetricGroup(num(0)?)
            }
            "alternating_group" => {
                expect(1)?;
                Family::AlternatingGroup(num(0)?)
            }
            "dihedral_group" => {
                expect(1)?;
                Family::DihedralGroup(num(0)?)
            }
            "quaternion_group" => {
                expect(0)?;
                Family::QuaternionGroup
            }
            "powerset_boolean_algebra" => {
                expect(1)?;
                Family::PowersetBooleanAlgebra(num(0)?)
            }
            "vector_space" => {
                expect(2)?;
                Family::VectorSpace { p: num(0)?, dim: num(1)? }
            }
            "graph" => {
                if params.is_empty() || params.len() > 2 {
                    return Err(Error::Format("`graph` takes a vertex count and an optional edge list".into()));
                }
                let edges = match params.get(1) {
                    Some(list) => parse_edges(list)?,
                    None => vec![],
                };
                Family::Graph { vertices: num(0)?, edges }
            }
            other => return Err(Error::UnknownFamily(other.to_string())),
        })
    }
}

/// Parses `"0-1,1-2"` into edge pairs.
pub fn parse_edges(list: &str) -> Result<Vec<(usize, usize)>> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|e| {
            let (u, v) = e
                .split_once('-')
                .ok_or_else(|| Error::Format(format!("edge `{e}` is not of the form u-v")))?;
            let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| Error::Format(format!("bad vertex in `{e}`")));
            Ok((parse(u)?, parse(v)?))
        })
        .collect()
}

pub fn group_signature() -> Signature {
    Signature::new(
        vec![Symbol::new(GROUP_MUL, 2), Symbol::new(GROUP_INV, 1), Symbol::new(GROUP_UNIT, 0)],
        vec![],
    )
    .expect("static signature")
}

pub fn boolean_signature() -> Signature {
    Signature::new(
        vec![
            Symbol::new(BA_JOIN, 2),
            Symbol::new(BA_MEET, 2),
            Symbol::new(BA_COMPLEMENT, 1),
            Symbol::new(BA_ZERO, 0),
            Symbol::new(BA_ONE, 0),
        ],
        vec![],
    )
    .expect("static signature")
}

pub fn vector_signature(p: usize) -> Signature {
    let mut ops = vec![Symbol::new(VS_ADD, 2), Symbol::new(VS_NEG, 1), Symbol::new(VS_ZERO, 0)];
    ops.extend((0..p).map(|c| Symbol::new(scalar_op(c), 1)));
    Signature::new(ops, vec![]).expect("static signature")
}

pub fn graph_signature() -> Signature {
    Signature::new(vec![], vec![Symbol::new(GRAPH_EDGE, 2)]).expect("static signature")
}

pub(crate) fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn too_large(what: &str, limit: &str) -> Error {
    Error::Format(format!("{what} exceeds the size cap ({limit})"))
}

/// A group from its multiplication on `0..n`, with `0` as the unit.
fn group_from_mul(n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Structure> {
    let table: Vec<usize> = (0..n * n).map(|i| mul(i / n, i % n)).collect();
    let inv = (0..n)
        .map(|x| {
            (0..n)
                .find(|&y| table[x * n + y] == 0)
                .ok_or_else(|| Error::LawViolation(format!("element {x} has no inverse")))
        })
        .collect::<Result<Vec<_>>>()?;
    Structure::new(group_signature(), n, vec![table, inv, vec![0]], vec![])
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("a larger suffix element");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// Cycle notation with points numbered from 1, e.g. `(13)(24)`; `e` for the identity.
pub fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = perm[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

fn is_even(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        let mut len = 0usize;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        transpositions += len.saturating_sub(1);
    }
    transpositions % 2 == 0
}

/// S_n with `(στ)(x) = σ(τ(x))`; elements in lexicographic order of their
/// one-line notation, so the identity is element 0.
fn symmetric_group(n: usize) -> Result<Structure> {
    let perms = permutations(n);
    let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let s = group_from_mul(perms.len(), |a, b| {
        let composed: Vec<usize> = (0..n).map(|x| perms[a][perms[b][x]]).collect();
        index[&composed]
    })?;
    s.with_labels(perms.iter().map(|p| cycle_notation(p)).collect())
}

fn alternating_group(n: usize) -> Result<Structure> {
    let s = symmetric_group(n)?;
    let even: Vec<usize> = permutations(n).iter().enumerate().filter(|(_, p)| is_even(p)).map(|(i, _)| i).collect();
    let sub = SubUniverse::new(&s, even)?;
    Ok(induced_substructure(&s, &sub)?.0)
}

/// Dihedral group of order `2n`; element `i + n*j` is `r^i s^j`.
fn dihedral_group(n: usize) -> Result<Structure> {
    let s = group_from_mul(2 * n, |x, y| {
        let (i, a) = (x % n, x / n);
        let (k, b) = (y % n, y / n);
        let rot = if a == 0 { (i + k) % n } else { (i + n - k) % n };
        rot + n * ((a + b) % 2)
    })?;
    let label = |x: usize| {
        let (i, j) = (x % n, x / n);
        let r = match i {
            0 => String::new(),
            1 => "r".into(),
            _ => format!("r{i}"),
        };
        let l = format!("{r}{}", if j == 1 { "s" } else { "" });
        if l.is_empty() {
            "e".into()
        } else {
            l
        }
    };
    s.with_labels((0..2 * n).map(label).collect())
}

/// Q8; element `4*sign + unit` with units `1, i, j, k`.
fn quaternion_group() -> Result<Structure> {
    let unit_mul = |u: usize, v: usize| -> (usize, usize) {
        match (u, v) {
            (0, v) => (0, v),
            (u, 0) => (0, u),
            (u, v) if u == v => (1, 0),
            (1, 2) | (2, 3) | (3, 1) => (0, 6 - u - v),
            _ => (1, 6 - u - v),
        }
    };
    let s = group_from_mul(8, |x, y| {
        let (sign, unit) = unit_mul(x % 4, y % 4);
        4 * ((x / 4 + y / 4 + sign) % 2) + unit
    })?;
    let names = ["1", "i", "j", "k"];
    s.with_labels((0..8).map(|x| format!("{}{}", if x >= 4 { "-" } else { "" }, names[x % 4])).collect())
}

/// The powerset of `k` atoms; element bits are atoms.
pub fn powerset_boolean_algebra(k: usize) -> Result<Structure> {
    let n = 1usize << k;
    let full = n - 1;
    let ops = vec![
        (0..n * n).map(|i| (i / n) | (i % n)).collect(),
        (0..n * n).map(|i| (i / n) & (i % n)).collect(),
        (0..n).map(|x| full & !x).collect(),
        vec![0],
        vec![full],
    ];
    let s = Structure::new(boolean_signature(), n, ops, vec![])?;
    let label = |x: usize| {
        let atoms: Vec<String> = (0..k).filter(|b| x >> b & 1 == 1).map(|b| (b + 1).to_string()).collect();
        format!("{{{}}}", atoms.join(","))
    };
    s.with_labels((0..n).map(label).collect())
}

/// `F_p^dim`; element `Σ v_i p^i`.
fn vector_space(p: usize, dim: usize) -> Result<Structure> {
    let n = p.pow(dim as u32);
    let digits = |x: usize| -> Vec<usize> { (0..dim).map(|i| x / p.pow(i as u32) % p).collect() };
    let from = |v: &[usize]| -> usize { v.iter().enumerate().map(|(i, &d)| d * p.pow(i as u32)).sum() };
    let add: Vec<usize> = (0..n * n)
        .map(|i| {
            let (x, y) = (digits(i / n), digits(i % n));
            from(&x.iter().zip(&y).map(|(a, b)| (a + b) % p).collect::<Vec<_>>())
        })
        .collect();
    let neg = (0..n).map(|x| from(&digits(x).iter().map(|a| (p - a) % p).collect::<Vec<_>>())).collect();
    let mut ops = vec![add, neg, vec![0]];
    for c in 0..p {
        ops.push((0..n).map(|x| from(&digits(x).iter().map(|a| a * c % p).collect::<Vec<_>>())).collect());
    }
    let s = Structure::new(vector_signature(p), n, ops, vec![])?;
    let label = |x: usize| format!("({})", digits(x).iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","));
    s.with_labels((0..n).map(label).collect())
}

/// An undirected graph; each edge is stored in both directions.
pub fn graph(vertices: usize, edges: &[(usize, usize)]) -> Result<Structure> {
    let tuples = edges.iter().flat_map(|&(u, v)| [vec![u, v], vec![v, u]]).collect();
    Structure::new(graph_signature(), vertices, vec![], vec![tuples])
}

/// Builds a family member, runs its law checks, and reports its category.
pub fn build(family: &Family) -> Result<(Structure, CategoryTag)> {
    let (s, tag, name) = match family {
        Family::EmptySigSet(n) => {
            if *n > 4096 {
                return Err(too_large("empty_sig_set", "4096"));
            }
            (Structure::set(*n)?, CategoryTag::Set, format!("set{n}"))
        }
        Family::CyclicGroup(n) => {
            if *n == 0 || *n > 256 {
                return Err(too_large("cyclic_group", "1..=256"));
            }
            let n = *n;
            (group_from_mul(n, |a, b| (a + b) % n)?, CategoryTag::AbelianGroup, format!("Z{n}"))
        }
        Family::SymmetricGroup(n) => {
            if *n == 0 || *n > 5 {
                return Err(too_large("symmetric_group", "1..=5"));
            }
            let tag = if *n <= 2 { CategoryTag::AbelianGroup } else { CategoryTag::Group };
            (symmetric_group(*n)?, tag, format!("S{n}"))
        }
        Family::AlternatingGroup(n) => {
            if *n == 0 || *n > 5 {
                return Err(too_large("alternating_group", "1..=5"));
            }
            let tag = if *n <= 3 { CategoryTag::AbelianGroup } else { CategoryTag::Group };
            (alternating_group(*n)?, tag, format!("A{n}"))
        }
        Family::DihedralGroup(n) => {
            if *n == 0 || *n > 32 {
                return Err(too_large("dihedral_group", "1..=32"));
            }
            let tag = if *n <= 2 { CategoryTag::AbelianGroup } else { CategoryTag::Group };
            (dihedral_group(*n)?, tag, format!("D{n}"))
        }
        Family::QuaternionGroup => (quaternion_group()?, CategoryTag::Group, "Q8".to_string()),
        Family::PowersetBooleanAlgebra(k) => {
            if *k > 5 {
                return Err(too_large("powerset_boolean_algebra", "at most 5 atoms"));
            }
            (powerset_boolean_algebra(*k)?, CategoryTag::BooleanAlgebra, format!("BA{}", 1usize << k))
        }
        Family::VectorSpace { p, dim } => {
            if !is_prime(*p) {
                return Err(Error::Format(format!("vector_space needs a prime field size, got {p}")));
            }
            if p.checked_pow(*dim as u32).is_none_or(|n| n > 64) {
                return Err(too_large("vector_space", "p^dim <= 64"));
            }
            (vector_space(*p, *dim)?, CategoryTag::VectorSpace { p: *p }, format!("F{p}^{dim}"))
        }
        Family::Graph { vertices, edges } => {
            if *vertices == 0 || *vertices > 64 {
                return Err(too_large("graph", "1..=64 vertices"));
            }
            (graph(*vertices, edges)?, CategoryTag::Graph, format!("G{vertices}"))
        }
    };
    laws::check(&s, tag)?;
    Ok((s.with_name(name), tag))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_six() {
        let (z6, tag) = build(&Family::CyclicGroup(6)).unwrap();
        assert_eq!(z6.size(), 6);
        assert_eq!(tag, CategoryTag::AbelianGroup);
        assert_eq!(z6.apply(0, &[4, 5]), 3);
    }

    #[test]
    fn small_boolean_algebra() {
        let (ba, tag) = build(&Family::PowersetBooleanAlgebra(2)).unwrap();
        assert_eq!((ba.size(), tag), (4, CategoryTag::BooleanAlgebra));
        assert_eq!(ba.label(3), "{1,2}");
    }

    #[test]
    fn vector_space_f2_squared() {
        let (v, _) = build(&Family::VectorSpace { p: 2, dim: 2 }).unwrap();
        assert_eq!(v.size(), 4);
        let scalars = v.signature().ops().iter().filter(|s| s.name.starts_with("smul")).count();
        assert_eq!(scalars, 2);
    }

    #[test]
    fn group_orders() {
        for (f, n) in [
            (Family::SymmetricGroup(3), 6),
            (Family::SymmetricGroup(4), 24),
            (Family::AlternatingGroup(4), 12),
            (Family::DihedralGroup(4), 8),
            (Family::QuaternionGroup, 8),
        ] {
            assert_eq!(build(&f).unwrap().0.size(), n, "{f:?}");
        }
    }

    #[test]
    fn s4_labels() {
        let (s4, _) = build(&Family::SymmetricGroup(4)).unwrap();
        assert_eq!(s4.label(0), "e");
        for l in ["(12)", "(13)(24)", "(1234)", "(123)"] {
            assert!(s4.element_by_label(l).is_some(), "{l}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build(&Family::SymmetricGroup(6)).is_err());
        assert!(build(&Family::VectorSpace { p: 4, dim: 1 }).is_err());
        assert!(build(&Family::VectorSpace { p: 2, dim: 7 }).is_err());
        assert!(build(&Family::PowersetBooleanAlgebra(6)).is_err());
        assert!(matches!(Family::parse("monoid", &[]), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn parse_families() {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(Family::parse("cyclic_group", &s(&["6"])).unwrap(), Family::CyclicGroup(6));
        assert_eq!(
            Family::parse("graph", &s(&["3", "0-1,1-2"])).unwrap(),
            Family::Graph { vertices: 3, edges: vec![(0, 1), (1, 2)] }
        );
        assert!(Family::parse("cyclic_group", &s(&[])).is_err());
        assert!(Family::parse("vector_space", &s(&["2"])).is_err());
    }

    #[test]
    fn category_tags_round_trip() {
        for tag in [
            CategoryTag::Set,
            CategoryTag::Graph,
            CategoryTag::AbelianGroup,
            CategoryTag::Group,
            CategoryTag::BooleanAlgebra,
            CategoryTag::VectorSpace { p: 3 },
        ] {
            assert_eq!(tag.to_string().parse::<CategoryTag>().unwrap(), tag);
        }
        assert!("vector_space:4".parse::<CategoryTag>().is_err());
    }

    #[test]
    fn cycle_notation_examples() {
        assert_eq!(cycle_notation(&[1, 0, 2, 3]), "(12)");
        assert_eq!(cycle_notation(&[2, 3, 0, 1]), "(13)(24)");
        assert_eq!(cycle_notation(&[0, 1, 2]), "e");
    }
}
