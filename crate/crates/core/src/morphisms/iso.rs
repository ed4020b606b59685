//! Isomorphism search with element-invariant pruning.

use crate::generation::closure_mask;
use crate::structure::Structure;

use super::search::HomSearch;
use super::{Homomorphism, Mode};

/// Isomorphism-invariant fingerprint of one element.
fn profile(s: &Structure, x: usize) -> Vec<usize> {
    let mut out = vec![closure_mask(s, &[x]).iter().filter(|&&b| b).count()];
    for (op, sym) in s.signature().ops().iter().enumerate() {
        if sym.arity >= 1 {
            let diagonal = vec![x; sym.arity];
            out.push(usize::from(s.apply(op, &diagonal) == x));
        }
    }
    for rel in 0..s.signature().rels().len() {
        let arity = s.signature().rels()[rel].arity;
        for pos in 0..arity {
            out.push(s.relation(rel).iter().filter(|t| t[pos] == x).count());
        }
    }
    out
}

/// A bijective strong homomorphism from `x` to `y`, if one exists.
///
/// The inverse of such a map is automatically a strong homomorphism.
pub fn find_isomorphism(x: &Structure, y: &Structure) -> Option<Homomorphism> {
    if x.signature() != y.signature() || x.size() != y.size() {
        return None;
    }
    let px: Vec<_> = (0..x.size()).map(|e| profile(x, e)).collect();
    let py: Vec<_> = (0..y.size()).map(|e| profile(y, e)).collect();
    let (mut sx, mut sy) = (px.clone(), py.clone());
    sx.sort();
    sy.sort();
    if sx != sy {
        return None;
    }
    let allowed = px.iter().map(|p| py.iter().map(|q| p == q).collect()).collect();
    HomSearch::new(x, y, Mode::Strong, true, Some(allowed)).next()
}
