//! Deciders for subalgebra independence and congruence independence.
//!
//! Two subuniverses `A` and `B` are subalgebra-independent when every pair of
//! endomorphisms `α` of `A` and `β` of `B` extends to a homomorphism on the
//! join `A ∨ B`. They are congruence-independent when every pair of
//! congruences `θ_A`, `θ_B` extends to a congruence of the join that restricts
//! to exactly `θ_A` on `A` and `θ_B` on `B`.
//!
//! Pairs are examined alpha-major, each side in the enumeration order of
//! [`crate::morphisms::endomorphisms`] or [`all_congruences`], and the first
//! failing pair becomes the witness.

use serde::Serialize;

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::generation::{all_congruences, cg, join, DEFAULT_MAX_CONGRUENCE_SIZE};
use crate::morphisms::{endomorphisms, joint_extension, Extender, HomClass, Homomorphism, Mode, Refusal};
use crate::structure::{induced_substructure, Structure, SubUniverse};
use crate::zoo::laws::{check_boolean_algebra, check_group};
use crate::zoo::{BA_MEET, BA_ZERO, GROUP_INV, GROUP_MUL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    A,
    B,
}

/// Counts of what a decider looked at.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    /// Pairs actually tested before stopping.
    pub pairs_examined: usize,
    /// Endomorphisms or congruences available on the `A` side.
    pub left_candidates: usize,
    pub right_candidates: usize,
    /// Set when the verdict came from a necessary condition, without
    /// enumerating pairs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shortcut: Option<String>,
}

/// Evidence of dependence. All elements use the parent's indexing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// An endomorphism pair, as `(x, image)` lists, with no joint extension.
    Subalgebra { alpha: Vec<(usize, usize)>, beta: Vec<(usize, usize)>, refusal: Refusal },
    /// A congruence pair whose least common extension `Θ` relates `x` and `y`
    /// although the congruence on `side` does not.
    Congruence { theta_a: Vec<Vec<usize>>, theta_b: Vec<Vec<usize>>, side: Side, x: usize, y: usize },
}

/// Outcome of a decider. `independent` holds exactly when no witness is given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    #[serde(rename = "verdict")]
    independent: bool,
    witness: Option<Witness>,
    stats: Stats,
}

impl Verdict {
    pub fn independent(stats: Stats) -> Self {
        Verdict { independent: true, witness: None, stats }
    }

    pub fn dependent(witness: Witness, stats: Stats) -> Self {
        Verdict { independent: false, witness: Some(witness), stats }
    }

    pub fn is_independent(&self) -> bool {
        self.independent
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    pub fn stats(&self) -> &Stats {
        &self.stats
    }
}

fn graph_in_parent(sub: &SubUniverse, h: &Homomorphism) -> Vec<(usize, usize)> {
    sub.members().iter().zip(h.map()).map(|(&x, &i)| (x, sub.members()[i])).collect()
}

/// Decides whether every pair of endomorphisms of `a` and `b` in `class`
/// extends jointly to the join.
pub fn decide_subalgebra_independence(
    parent: &Structure,
    a: &SubUniverse,
    b: &SubUniverse,
    class: HomClass,
    mode: Mode,
) -> Result<Verdict> {
    let extender = Extender::new(parent, a, b, mode)?;
    let (sa, _) = induced_substructure(parent, a)?;
    let (sb, _) = induced_substructure(parent, b)?;
    let alphas = endomorphisms(&sa, class, mode);
    let betas = endomorphisms(&sb, class, mode);
    let mut stats = Stats { left_candidates: alphas.len(), right_candidates: betas.len(), ..Stats::default() };
    for alpha in &alphas {
        for beta in &betas {
            stats.pairs_examined += 1;
            if let Err(refusal) = extender.extend(alpha.map(), beta.map()) {
                let witness = Witness::Subalgebra {
                    alpha: graph_in_parent(a, alpha),
                    beta: graph_in_parent(b, beta),
                    refusal,
                };
                return Ok(Verdict::dependent(witness, stats));
            }
        }
    }
    Ok(Verdict::independent(stats))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CongruenceOptions {
    /// Largest join on which the congruence lattices are enumerated.
    pub max_size: usize,
    /// Answer "not independent" as soon as `|A ∩ B| ≥ 2`, without
    /// enumerating congruences.
    pub early_exit: bool,
}

impl Default for CongruenceOptions {
    fn default() -> Self {
        CongruenceOptions { max_size: DEFAULT_MAX_CONGRUENCE_SIZE, early_exit: true }
    }
}

fn blocks_in_parent(sub: &SubUniverse, theta: &Congruence) -> Vec<Vec<usize>> {
    theta.blocks().into_iter().map(|b| b.into_iter().map(|i| sub.members()[i]).collect()).collect()
}

/// First pair related in `big` but not in `small`, both on positions.
fn extra_pair(big: &Congruence, small: &Congruence) -> Option<(usize, usize)> {
    let n = big.universe_size();
    (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).find(|&(x, y)| big.related(x, y) && !small.related(x, y))
}

/// Decides congruence independence of `a` and `b`.
///
/// For each pair `(θ_A, θ_B)` only the least candidate
/// `Θ = Cg(θ_A ∪ θ_B)` on the join is tested. Any congruence restricting to
/// `θ_A` and `θ_B` contains both, hence contains `Θ`; restriction is
/// monotone, so `Θ` restricts correctly whenever anything does.
pub fn decide_congruence_independence(
    parent: &Structure,
    a: &SubUniverse,
    b: &SubUniverse,
    options: CongruenceOptions,
) -> Result<Verdict> {
    let (joined, _) = join(parent, a, b)?;
    let shared = a.intersection(b);
    if options.early_exit && shared.len() >= 2 {
        let (x, y) = (shared[0], shared[1]);
        let witness = Witness::Congruence {
            theta_a: a.members().iter().map(|&m| vec![m]).collect(),
            theta_b: vec![b.members().to_vec()],
            side: Side::A,
            x,
            y,
        };
        let stats = Stats { shortcut: Some("A and B share at least two elements".into()), ..Stats::default() };
        return Ok(Verdict::dependent(witness, stats));
    }
    if joined.len() > options.max_size {
        return Err(Error::SizeBound { size: joined.len(), bound: options.max_size });
    }
    let (js, _) = induced_substructure(parent, &joined)?;
    let (sa, _) = induced_substructure(parent, a)?;
    let (sb, _) = induced_substructure(parent, b)?;
    let con_a = all_congruences(&sa, options.max_size)?;
    let con_b = all_congruences(&sb, options.max_size)?;
    let pos = |sub: &SubUniverse| -> Vec<usize> {
        sub.members().iter().map(|&x| joined.index_of(x).expect("summand inside the join")).collect()
    };
    let (pos_a, pos_b) = (pos(a), pos(b));
    let mut stats = Stats { left_candidates: con_a.len(), right_candidates: con_b.len(), ..Stats::default() };
    for theta_a in &con_a {
        for theta_b in &con_b {
            stats.pairs_examined += 1;
            let gens: Vec<(usize, usize)> = theta_a
                .generating_pairs()
                .into_iter()
                .map(|(x, y)| (pos_a[x], pos_a[y]))
                .chain(theta_b.generating_pairs().into_iter().map(|(x, y)| (pos_b[x], pos_b[y])))
                .collect();
            let big = cg(&js, &gens)?;
            for (side, sub, positions, theta) in [(Side::A, a, &pos_a, theta_a), (Side::B, b, &pos_b, theta_b)] {
                if let Some((x, y)) = extra_pair(&big.restrict(positions), theta) {
                    let witness = Witness::Congruence {
                        theta_a: blocks_in_parent(a, theta_a),
                        theta_b: blocks_in_parent(b, theta_b),
                        side,
                        x: sub.members()[x],
                        y: sub.members()[y],
                    };
                    return Ok(Verdict::dependent(witness, stats));
                }
            }
        }
    }
    Ok(Verdict::independent(stats))
}

/// Whether `a ∧ b ≠ 0` for all nonzero `a ∈ A`, `b ∈ B`.
pub fn boole_independent(parent: &Structure, a: &SubUniverse, b: &SubUniverse) -> Result<bool> {
    check_boolean_algebra(parent)?;
    a.check_parent(parent)?;
    b.check_parent(parent)?;
    let sig = parent.signature();
    let meet = sig.op_index(BA_MEET).expect("checked Boolean algebra");
    let zero = parent.apply(sig.op_index(BA_ZERO).expect("checked Boolean algebra"), &[]);
    Ok(a.members().iter().filter(|&&x| x != zero).all(|&x| {
        b.members().iter().filter(|&&y| y != zero).all(|&y| parent.apply(meet, &[x, y]) != zero)
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prediction {
    Independent,
    NotIndependent,
    NoPrediction,
}

/// Normality facts about two subgroups and the verdict they force, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub trivial_intersection: bool,
    /// Normality is tested inside the join `A ∨ B`.
    pub a_normal: bool,
    pub b_normal: bool,
    pub prediction: Prediction,
}

fn is_normal_in(parent: &Structure, sub: &SubUniverse, within: &SubUniverse) -> bool {
    let sig = parent.signature();
    let mul = sig.op_index(GROUP_MUL).expect("checked group");
    let inv = sig.op_index(GROUP_INV).expect("checked group");
    within.members().iter().all(|&g| {
        let g_inv = parent.apply(inv, &[g]);
        sub.members().iter().all(|&x| sub.contains(parent.apply(mul, &[parent.apply(mul, &[g, x]), g_inv])))
    })
}

/// Reports whether `A ∩ B = {e}` and which of `A`, `B` is normal in the join.
///
/// Two normal subgroups with trivial intersection are independent; if exactly
/// one is normal they are not. Nothing is predicted otherwise.
pub fn group_diagnostics(parent: &Structure, a: &SubUniverse, b: &SubUniverse) -> Result<GroupReport> {
    check_group(parent)?;
    let (joined, _) = join(parent, a, b)?;
    let trivial_intersection = a.intersection(b).len() == 1;
    let a_normal = is_normal_in(parent, a, &joined);
    let b_normal = is_normal_in(parent, b, &joined);
    let prediction = match (a_normal, b_normal) {
        (true, true) if trivial_intersection => Prediction::Independent,
        (true, false) | (false, true) => Prediction::NotIndependent,
        _ => Prediction::NoPrediction,
    };
    Ok(GroupReport { trivial_intersection, a_normal, b_normal, prediction })
}

/// Whether `∏ aᵢbᵢ = e` implies `∏ α(aᵢ)β(bᵢ) = e` for all finite words.
///
/// Decided by closing the pairs `(x, α(x))` and `(y, β(y))` under the group
/// operations: the closure is exactly the set of pairs
/// `(∏ aᵢbᵢ, ∏ α(aᵢ)β(bᵢ))`, and the word condition says it is a function.
pub fn check_word_condition(
    parent: &Structure,
    a: &SubUniverse,
    b: &SubUniverse,
    alpha: &Homomorphism,
    beta: &Homomorphism,
) -> Result<bool> {
    check_group(parent)?;
    Ok(joint_extension(parent, a, b, alpha, beta)?.is_extended())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{build, Family};

    fn group(f: Family) -> Structure {
        build(&f).unwrap().0
    }

    fn sub(s: &Structure, elems: &[usize]) -> SubUniverse {
        SubUniverse::new(s, elems.iter().copied()).unwrap()
    }

    fn labelled(s: &Structure, labels: &[&str]) -> SubUniverse {
        sub(s, &labels.iter().map(|l| s.element_by_label(l).unwrap()).collect::<Vec<_>>())
    }

    fn sub_verdict(s: &Structure, a: &SubUniverse, b: &SubUniverse) -> Verdict {
        decide_subalgebra_independence(s, a, b, HomClass::AllEndomorphisms, Mode::Weak).unwrap()
    }

    #[test]
    fn z6_subgroups_independent() {
        let z6 = group(Family::CyclicGroup(6));
        let v = sub_verdict(&z6, &sub(&z6, &[0, 3]), &sub(&z6, &[0, 2, 4]));
        assert!(v.is_independent());
        assert!(v.witness().is_none());
        assert_eq!(v.stats().pairs_examined, 6);
    }

    #[test]
    fn s3_witness_is_identity_and_trivial() {
        let s3 = group(Family::SymmetricGroup(3));
        let a = labelled(&s3, &["e", "(123)", "(132)"]);
        let b = labelled(&s3, &["e", "(12)"]);
        let v = sub_verdict(&s3, &a, &b);
        assert!(!v.is_independent());
        let Some(Witness::Subalgebra { alpha, beta, .. }) = v.witness() else { panic!("{v:?}") };
        assert!(alpha.iter().all(|(x, y)| x == y));
        let e = s3.element_by_label("e").unwrap();
        assert!(beta.iter().all(|&(_, y)| y == e));
    }

    #[test]
    fn s4_pair_independent() {
        let s4 = group(Family::SymmetricGroup(4));
        let a = labelled(&s4, &["e", "(12)"]);
        let b = labelled(&s4, &["e", "(13)(24)"]);
        assert!(sub_verdict(&s4, &a, &b).is_independent());
        let report = group_diagnostics(&s4, &a, &b).unwrap();
        assert!(!report.a_normal && !report.b_normal);
        assert_eq!(report.prediction, Prediction::NoPrediction);
    }

    #[test]
    fn diagnostics_examples() {
        let z6 = group(Family::CyclicGroup(6));
        let r = group_diagnostics(&z6, &sub(&z6, &[0, 3]), &sub(&z6, &[0, 2, 4])).unwrap();
        assert_eq!(r, GroupReport { trivial_intersection: true, a_normal: true, b_normal: true, prediction: Prediction::Independent });
        let s3 = group(Family::SymmetricGroup(3));
        let r = group_diagnostics(&s3, &labelled(&s3, &["e", "(123)", "(132)"]), &labelled(&s3, &["e", "(12)"])).unwrap();
        assert_eq!((r.a_normal, r.b_normal, r.prediction), (true, false, Prediction::NotIndependent));
    }

    #[test]
    fn set_congruence_examples() {
        let x = Structure::set(3).unwrap();
        let v = decide_congruence_independence(&x, &sub(&x, &[0]), &sub(&x, &[0, 1]), CongruenceOptions::default()).unwrap();
        assert!(v.is_independent());
        let v = sub_verdict(&x, &sub(&x, &[0]), &sub(&x, &[0, 1]));
        assert!(!v.is_independent());

        let ab = sub(&x, &[0, 1]);
        for early_exit in [true, false] {
            let opts = CongruenceOptions { early_exit, ..CongruenceOptions::default() };
            let v = decide_congruence_independence(&x, &ab, &ab, opts).unwrap();
            assert!(!v.is_independent());
            assert_eq!(v.stats().shortcut.is_some(), early_exit);
        }

        let four = Structure::set(4).unwrap();
        let v = decide_congruence_independence(&four, &sub(&four, &[0, 1]), &sub(&four, &[2, 3]), CongruenceOptions::default())
            .unwrap();
        assert!(v.is_independent());
        assert_eq!(v.stats().pairs_examined, 4);
    }

    #[test]
    fn congruence_size_bound() {
        let z13 = group(Family::CyclicGroup(13));
        let all = SubUniverse::full(&z13);
        let e = sub(&z13, &[0]);
        let r = decide_congruence_independence(&z13, &all, &e, CongruenceOptions::default());
        assert!(matches!(r, Err(Error::SizeBound { size: 13, bound: 12 })));
    }

    #[test]
    fn boole_examples() {
        let ba = group(Family::PowersetBooleanAlgebra(4));
        let a = sub(&ba, &[0, 0b0011, 0b1100, 0b1111]);
        let b = sub(&ba, &[0, 0b0101, 0b1010, 0b1111]);
        assert!(boole_independent(&ba, &a, &b).unwrap());
        let c = sub(&ba, &[0, 0b0001, 0b1110, 0b1111]);
        assert!(!boole_independent(&ba, &c, &c).unwrap());
        let bottom = sub(&ba, &[0, 0b1111]);
        assert!(boole_independent(&ba, &bottom, &bottom).unwrap());
        let z2 = group(Family::CyclicGroup(2));
        assert!(boole_independent(&z2, &SubUniverse::full(&z2), &SubUniverse::full(&z2)).is_err());
    }

    #[test]
    fn word_condition_examples() {
        let s3 = group(Family::SymmetricGroup(3));
        let a = labelled(&s3, &["e", "(123)", "(132)"]);
        let b = labelled(&s3, &["e", "(12)"]);
        let (sa, _) = induced_substructure(&s3, &a).unwrap();
        let (sb, _) = induced_substructure(&s3, &b).unwrap();
        let id_a = Homomorphism::identity(&sa, Mode::Weak);
        let id_b = Homomorphism::identity(&sb, Mode::Weak);
        let e = b.index_of(s3.element_by_label("e").unwrap()).unwrap();
        let trivial = Homomorphism::new(&sb, &sb, vec![e; 2], Mode::Weak).unwrap();
        assert!(check_word_condition(&s3, &a, &b, &id_a, &id_b).unwrap());
        assert!(!check_word_condition(&s3, &a, &b, &id_a, &trivial).unwrap());
    }
}
