//! Equational and structural checks for each category.

use crate::error::{Error, Result};
use crate::structure::{Signature, Structure};

use super::{
    boolean_signature, graph_signature, group_signature, is_prime, scalar_op, vector_signature, CategoryTag, BA_COMPLEMENT,
    BA_JOIN, BA_MEET, BA_ONE, BA_ZERO, GROUP_INV, GROUP_MUL, GROUP_UNIT, VS_ADD, VS_NEG, VS_ZERO,
};

fn violation(msg: String) -> Error {
    Error::LawViolation(msg)
}

fn expect_signature(s: &Structure, expected: &Signature, what: &str) -> Result<()> {
    if s.signature() != expected {
        let names: Vec<String> = expected.ops().iter().chain(expected.rels()).map(|x| format!("{}/{}", x.name, x.arity)).collect();
        return Err(Error::SignatureMismatch(format!("{what} needs the signature [{}]", names.join(", "))));
    }
    Ok(())
}

fn op(s: &Structure, name: &str) -> usize {
    s.signature().op_index(name).expect("signature already checked")
}

fn constant(s: &Structure, name: &str) -> usize {
    s.apply(op(s, name), &[])
}

/// Associativity, two-sided unit and two-sided inverses of a `(mul, inv, unit)` triple.
fn group_laws(s: &Structure, mul: usize, inv: usize, unit: usize) -> Result<()> {
    let n = s.size();
    let m = |a: usize, b: usize| s.apply(mul, &[a, b]);
    let e = s.apply(unit, &[]);
    for x in 0..n {
        if m(e, x) != x || m(x, e) != x {
            return Err(violation(format!("{e} is not a unit for {x}")));
        }
        let y = s.apply(inv, &[x]);
        if m(x, y) != e || m(y, x) != e {
            return Err(violation(format!("{y} is not an inverse of {x}")));
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = m(x, y);
            for z in 0..n {
                if m(xy, z) != m(x, m(y, z)) {
                    return Err(violation(format!("multiplication is not associative on ({x}, {y}, {z})")));
                }
            }
        }
    }
    Ok(())
}

fn commutative(s: &Structure, op: usize, name: &str) -> Result<()> {
    let n = s.size();
    for x in 0..n {
        for y in 0..x {
            if s.apply(op, &[x, y]) != s.apply(op, &[y, x]) {
                return Err(violation(format!("`{name}` does not commute on ({x}, {y})")));
            }
        }
    }
    Ok(())
}

pub fn check_group(s: &Structure) -> Result<()> {
    expect_signature(s, &group_signature(), "a group")?;
    group_laws(s, op(s, GROUP_MUL), op(s, GROUP_INV), op(s, GROUP_UNIT))
}

pub fn check_abelian_group(s: &Structure) -> Result<()> {
    check_group(s)?;
    commutative(s, op(s, GROUP_MUL), GROUP_MUL)
}

pub fn check_boolean_algebra(s: &Structure) -> Result<()> {
    expect_signature(s, &boolean_signature(), "a Boolean algebra")?;
    let n = s.size();
    let (join, meet, comp) = (op(s, BA_JOIN), op(s, BA_MEET), op(s, BA_COMPLEMENT));
    let (zero, one) = (constant(s, BA_ZERO), constant(s, BA_ONE));
    let j = |a: usize, b: usize| s.apply(join, &[a, b]);
    let m = |a: usize, b: usize| s.apply(meet, &[a, b]);
    commutative(s, join, BA_JOIN)?;
    commutative(s, meet, BA_MEET)?;
    for x in 0..n {
        if j(x, zero) != x || m(x, one) != x {
            return Err(violation(format!("bounds fail at {x}")));
        }
        let c = s.apply(comp, &[x]);
        if j(x, c) != one || m(x, c) != zero {
            return Err(violation(format!("{c} is not a complement of {x}")));
        }
        for y in 0..n {
            if j(x, m(x, y)) != x || m(x, j(x, y)) != x {
                return Err(violation(format!("absorption fails on ({x}, {y})")));
            }
            for z in 0..n {
                if j(j(x, y), z) != j(x, j(y, z)) || m(m(x, y), z) != m(x, m(y, z)) {
                    return Err(violation(format!("associativity fails on ({x}, {y}, {z})")));
                }
                if m(x, j(y, z)) != j(m(x, y), m(x, z)) {
                    return Err(violation(format!("distributivity fails on ({x}, {y}, {z})")));
                }
            }
        }
    }
    Ok(())
}

pub fn check_vector_space(s: &Structure, p: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(violation(format!("{p} is not prime")));
    }
    expect_signature(s, &vector_signature(p), &format!("a vector space over F{p}"))?;
    let (add, neg, zero) = (op(s, VS_ADD), op(s, VS_NEG), op(s, VS_ZERO));
    group_laws(s, add, neg, zero)?;
    commutative(s, add, VS_ADD)?;
    let n = s.size();
    let smul: Vec<usize> = (0..p).map(|c| op(s, &scalar_op(c))).collect();
    let sm = |c: usize, x: usize| s.apply(smul[c], &[x]);
    let a = |x: usize, y: usize| s.apply(add, &[x, y]);
    for x in 0..n {
        if sm(1 % p, x) != x {
            return Err(violation(format!("1 does not act trivially on {x}")));
        }
        for c in 0..p {
            for d in 0..p {
                if sm((c + d) % p, x) != a(sm(c, x), sm(d, x)) {
                    return Err(violation(format!("scalar addition fails for {c}, {d} on {x}")));
                }
                if sm(c * d % p, x) != sm(c, sm(d, x)) {
                    return Err(violation(format!("scalar multiplication fails for {c}, {d} on {x}")));
                }
            }
            for y in 0..n {
                if sm(c, a(x, y)) != a(sm(c, x), sm(c, y)) {
                    return Err(violation(format!("scalar {c} is not additive on ({x}, {y})")));
                }
            }
        }
    }
    Ok(())
}

/// A set is a structure over the empty signature.
pub fn check_set(s: &Structure) -> Result<()> {
    expect_signature(s, &Signature::empty(), "a set")
}

/// A graph has one binary symmetric edge relation.
pub fn check_graph(s: &Structure) -> Result<()> {
    expect_signature(s, &graph_signature(), "a graph")?;
    if let Some(t) = s.relation(0).iter().find(|t| !s.holds(0, &[t[1], t[0]])) {
        return Err(violation(format!("edge ({}, {}) has no reverse", t[0], t[1])));
    }
    Ok(())
}

pub fn check(s: &Structure, tag: CategoryTag) -> Result<()> {
    match tag {
        CategoryTag::Set => check_set(s),
        CategoryTag::Graph => check_graph(s),
        CategoryTag::AbelianGroup => check_abelian_group(s),
        CategoryTag::Group => check_group(s),
        CategoryTag::BooleanAlgebra => check_boolean_algebra(s),
        CategoryTag::VectorSpace { p } => check_vector_space(s, p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{build, Family};

    #[test]
    fn s3_is_not_abelian() {
        let (s3, _) = build(&Family::SymmetricGroup(3)).unwrap();
        assert!(check_group(&s3).is_ok());
        assert!(matches!(check_abelian_group(&s3), Err(Error::LawViolation(_))));
    }

    #[test]
    fn broken_group_is_caught() {
        let (z4, _) = build(&Family::CyclicGroup(4)).unwrap();
        let mut ops: Vec<Vec<usize>> = (0..3).map(|i| z4.op_table(i).to_vec()).collect();
        ops[1][1] = 1;
        let bad = Structure::new(z4.signature().clone(), 4, ops, vec![]).unwrap();
        assert!(check_group(&bad).is_err());
    }

    #[test]
    fn wrong_signature() {
        let (ba, _) = build(&Family::PowersetBooleanAlgebra(1)).unwrap();
        assert!(matches!(check_group(&ba), Err(Error::SignatureMismatch(_))));
        assert!(check_boolean_algebra(&ba).is_ok());
    }

    #[test]
    fn directed_edge_rejected() {
        let s = Structure::new(graph_signature(), 2, vec![], vec![vec![vec![0, 1]]]).unwrap();
        assert!(check_graph(&s).is_err());
    }
}
