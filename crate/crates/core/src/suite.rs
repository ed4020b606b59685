//! The acceptance battery. Each criterion runs a decider over a fixed family
//! of inputs and compares it with a known characterization or with a plain
//! brute-force search that shares no code with the decider.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::generation::all_subuniverses;
use crate::independence::{
    boole_independent, decide_congruence_independence, decide_subalgebra_independence, group_diagnostics,
    CongruenceOptions, Prediction,
};
use crate::morphisms::{enumerate_homs, find_isomorphism, joint_extension, HomClass, Homomorphism, JointExtension, Mode};
use crate::structure::{induced_substructure, Signature, Structure, SubUniverse, Symbol};
use crate::tuples::AllTuples;
use crate::zoo::{
    build, canonical_quotient, coproduct, glue_at_vertex, graph, CategoryTag, Family, RigidGraph,
};

/// Seed of the random algebras in the uniqueness and congruence checks.
pub const RANDOM_SEED: u64 = 20_240_601;
const RANDOM_ALGEBRAS: u64 = 50;
const PAIRS_PER_ALGEBRA: usize = 12;
/// Joins up to the 16-element Boolean algebra take part in the lattice checks.
const LATTICE_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{mark}] {}. {}: {}", self.id, self.name, self.detail)
    }
}

type Check = fn() -> Result<(bool, String)>;

const CRITERIA: &[(usize, &str, Check)] = &[
    (1, "sets: independent iff disjoint", sets),
    (2, "vector spaces: independent iff the intersection is zero", vector_spaces),
    (3, "Boolean algebras: independence, Boole-independence and coproduct join agree", boolean_algebras),
    (4, "cyclic groups: independent iff trivial intersection iff coproduct join", cyclic_groups),
    (5, "groups: trivial intersection and normality conditions", groups),
    (6, "joint extensions are unique", uniqueness),
    (7, "congruence independence", congruence_independence),
    (8, "coproduct summands are independent", coproducts),
    (9, "overlapping rigid graphs", rigid_graphs),
];

pub fn criterion_ids() -> impl Iterator<Item = usize> {
    CRITERIA.iter().map(|c| c.0)
}

pub fn run(id: usize) -> Option<CriterionOutcome> {
    let &(id, name, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let (passed, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
    Some(CriterionOutcome { id, name, passed, detail })
}

pub fn run_all() -> Vec<CriterionOutcome> {
    criterion_ids().filter_map(run).collect()
}

/// Counts checks and keeps the first few failures.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < 5 {
                self.failures.push(describe());
            }
        }
    }

    fn finish(self, noun: &str) -> (bool, String) {
        let mut detail = format!("{}/{} {noun} agree", self.checked - self.failed, self.checked);
        if !self.failures.is_empty() {
            detail.push_str("; first mismatches: ");
            detail.push_str(&self.failures.join("; "));
        }
        (self.failed == 0 && self.checked > 0, detail)
    }
}

fn show(s: &Structure, sub: &SubUniverse) -> String {
    let items: Vec<String> = sub.members().iter().map(|&x| s.label(x)).collect();
    format!("{{{}}}", items.join(","))
}

fn family(f: Family) -> Result<Structure> {
    Ok(build(&f)?.0)
}

fn subalgebra_independent(s: &Structure, a: &SubUniverse, b: &SubUniverse) -> Result<bool> {
    Ok(decide_subalgebra_independence(s, a, b, HomClass::AllEndomorphisms, Mode::Weak)?.is_independent())
}

fn is_bottom(s: &Structure, shared: &[usize]) -> bool {
    let constants = s.constants();
    shared.len() == 1 && constants.contains(&shared[0])
}

/// Whether the join of `a` and `b` is isomorphic to the coproduct of the two
/// induced structures.
fn join_is_coproduct(s: &Structure, a: &SubUniverse, b: &SubUniverse, tag: CategoryTag) -> Result<bool> {
    let (joined, _) = crate::generation::join(s, a, b)?;
    let (js, _) = induced_substructure(s, &joined)?;
    let (sa, _) = induced_substructure(s, a)?;
    let (sb, _) = induced_substructure(s, b)?;
    match coproduct(tag, &sa, &sb) {
        Ok(cop) => Ok(find_isomorphism(&js, &cop.structure).is_some()),
        Err(Error::SizeBound { size, .. }) if size > js.size() => Ok(false),
        Err(e) => Err(e),
    }
}

fn sets() -> Result<(bool, String)> {
    let x = Structure::set(5)?;
    let subs = (1u32..32)
        .map(|m| SubUniverse::new(&x, (0..5).filter(|i| m >> i & 1 == 1)))
        .collect::<Result<Vec<_>>>()?;
    let mut tally = Tally::default();
    for a in &subs {
        for b in &subs {
            let independent = subalgebra_independent(&x, a, b)?;
            let disjoint = a.intersection(b).is_empty();
            tally.check(independent == disjoint, || {
                format!("A={} B={}: independent={independent}, disjoint={disjoint}", show(&x, a), show(&x, b))
            });
        }
    }
    Ok(tally.finish("ordered pairs of nonempty subsets"))
}

fn vector_spaces() -> Result<(bool, String)> {
    let mut tally = Tally::default();
    for (p, dim) in [(2, 3), (3, 2)] {
        let v = family(Family::VectorSpace { p, dim })?;
        let subs = all_subuniverses(&v);
        for a in &subs {
            for b in &subs {
                let independent = subalgebra_independent(&v, a, b)?;
                let trivial = is_bottom(&v, &a.intersection(b));
                tally.check(independent == trivial, || {
                    format!("F{p}^{dim} A={} B={}: independent={independent}", show(&v, a), show(&v, b))
                });
            }
        }
    }
    Ok(tally.finish("subspace pairs"))
}

fn boolean_algebras() -> Result<(bool, String)> {
    let ba = family(Family::PowersetBooleanAlgebra(4))?;
    let subs = all_subuniverses(&ba);
    let mut tally = Tally::default();
    for a in &subs {
        for b in &subs {
            let independent = subalgebra_independent(&ba, a, b)?;
            let boole = boole_independent(&ba, a, b)?;
            let cop = join_is_coproduct(&ba, a, b, CategoryTag::BooleanAlgebra)?;
            tally.check(independent == boole && boole == cop, || {
                format!(
                    "A={} B={}: independent={independent}, boole={boole}, coproduct join={cop}",
                    show(&ba, a),
                    show(&ba, b)
                )
            });
        }
    }
    Ok(tally.finish("subalgebra pairs of the 16-element algebra"))
}

fn cyclic_groups() -> Result<(bool, String)> {
    let mut tally = Tally::default();
    for n in [4, 6, 8, 9, 12] {
        let z = family(Family::CyclicGroup(n))?;
        let subs = all_subuniverses(&z);
        for a in &subs {
            for b in &subs {
                let independent = subalgebra_independent(&z, a, b)?;
                let trivial = is_bottom(&z, &a.intersection(b));
                let cop = join_is_coproduct(&z, a, b, CategoryTag::AbelianGroup)?;
                tally.check(independent == trivial && trivial == cop, || {
                    format!("Z{n} A={} B={}: independent={independent}, trivial={trivial}, coproduct join={cop}", show(&z, a), show(&z, b))
                });
            }
        }
    }
    Ok(tally.finish("subgroup pairs"))
}

fn groups() -> Result<(bool, String)> {
    let mut tally = Tally::default();
    let named = [
        ("S3", Family::SymmetricGroup(3)),
        ("D4", Family::DihedralGroup(4)),
        ("Q8", Family::QuaternionGroup),
        ("A4", Family::AlternatingGroup(4)),
    ];
    for (name, f) in named {
        let g = family(f)?;
        let subs = all_subuniverses(&g);
        for a in &subs {
            for b in &subs {
                let independent = subalgebra_independent(&g, a, b)?;
                if name != "Q8" {
                    let trivial = is_bottom(&g, &a.intersection(b));
                    tally.check(!independent || trivial, || {
                        format!("(a) {name} A={} B={}: independent with nontrivial intersection", show(&g, a), show(&g, b))
                    });
                }
                let report = group_diagnostics(&g, a, b)?;
                let ok = match report.prediction {
                    Prediction::Independent => independent,
                    Prediction::NotIndependent => !independent,
                    Prediction::NoPrediction => true,
                };
                tally.check(ok, || {
                    format!("(b/c) {name} A={} B={}: predicted {:?}, independent={independent}", show(&g, a), show(&g, b), report.prediction)
                });
            }
        }
    }
    let s4 = family(Family::SymmetricGroup(4))?;
    let pick = |labels: &[&str]| -> Result<SubUniverse> {
        let elems = labels
            .iter()
            .map(|l| s4.element_by_label(l).ok_or_else(|| Error::Format(format!("no element {l}"))))
            .collect::<Result<Vec<_>>>()?;
        SubUniverse::new(&s4, elems)
    };
    let (a, b) = (pick(&["e", "(12)"])?, pick(&["e", "(13)(24)"])?);
    let independent = subalgebra_independent(&s4, &a, &b)?;
    let (joined, _) = crate::generation::join(&s4, &a, &b)?;
    let (js, _) = induced_substructure(&s4, &joined)?;
    let dihedral = find_isomorphism(&js, &family(Family::DihedralGroup(4))?).is_some();
    tally.check(independent && joined.len() == 8 && dihedral, || {
        format!("(d) S4 pair: independent={independent}, join order {}, dihedral={dihedral}", joined.len())
    });
    Ok(tally.finish("group checks"))
}

fn random_algebra(seed: u64) -> Result<Structure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=6);
    let table = (0..n * n).map(|_| rng.random_range(0..n)).collect();
    let sig = Signature::new(vec![Symbol::new("f", 2)], vec![])?;
    Ok(Structure::new(sig, n, vec![table], vec![])?.with_name(format!("random#{seed}")))
}

fn sampled_pairs(count: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (0..count).flat_map(|i| (0..count).map(move |j| (i, j))).collect();
    if pairs.len() > PAIRS_PER_ALGEBRA {
        pairs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        pairs.truncate(PAIRS_PER_ALGEBRA);
    }
    pairs
}

/// Tests every operation on every argument tuple, and relations forward.
fn naive_is_hom(dom: &Structure, cod: &Structure, map: &[usize]) -> bool {
    for (op, sym) in dom.signature().ops().iter().enumerate() {
        let mut tuples = AllTuples::new(dom.size(), sym.arity);
        while let Some(t) = tuples.next_tuple() {
            let image: Vec<usize> = t.iter().map(|&x| map[x]).collect();
            if map[dom.apply(op, t)] != cod.apply(op, &image) {
                return false;
            }
        }
    }
    (0..dom.signature().rels().len()).all(|r| {
        dom.relation(r).iter().all(|t| cod.holds(r, &t.iter().map(|&x| map[x]).collect::<Vec<_>>()))
    })
}

/// Every map `0..n → 0..m`, lexicographically.
fn all_maps(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = m.pow(n as u32);
    (0..total).map(move |mut code| {
        (0..n)
            .map(|_| {
                let d = code % m;
                code /= m;
                d
            })
            .collect()
    })
}

fn naive_endomorphisms(s: &Structure) -> Vec<Vec<usize>> {
    all_maps(s.size(), s.size()).filter(|m| naive_is_hom(s, s, m)).collect()
}

/// Closure by repeated full sweeps until nothing new appears.
fn naive_closure(s: &Structure, seed: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; s.size()];
    for &x in seed {
        inside[x] = true;
    }
    loop {
        let mut grew = false;
        for (op, sym) in s.signature().ops().iter().enumerate() {
            let mut tuples = AllTuples::new(s.size(), sym.arity);
            while let Some(t) = tuples.next_tuple() {
                if t.iter().all(|&x| inside[x]) {
                    let y = s.apply(op, t);
                    if !inside[y] {
                        inside[y] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return (0..s.size()).filter(|&x| inside[x]).collect();
        }
    }
}

fn uniqueness() -> Result<(bool, String)> {
    let mut tally = Tally::default();
    let mut extended = 0;
    for i in 0..RANDOM_ALGEBRAS {
        let s = random_algebra(RANDOM_SEED + i)?;
        let subs = all_subuniverses(&s);
        for (ia, ib) in sampled_pairs(subs.len(), RANDOM_SEED + i) {
            let (a, b) = (&subs[ia], &subs[ib]);
            let (sa, _) = induced_substructure(&s, a)?;
            let (sb, _) = induced_substructure(&s, b)?;
            let seed: Vec<usize> = a.members().iter().chain(b.members()).copied().collect();
            let joined = naive_closure(&s, &seed);
            let free: Vec<usize> = joined.iter().copied().filter(|x| !a.contains(*x) && !b.contains(*x)).collect();
            for alpha in naive_endomorphisms(&sa) {
                for beta in naive_endomorphisms(&sb) {
                    // Every map on the join that agrees with alpha and beta.
                    let mut fixed = vec![None; s.size()];
                    for (i, &x) in a.members().iter().enumerate() {
                        fixed[x] = Some(a.members()[alpha[i]]);
                    }
                    let mut clash = false;
                    for (j, &y) in b.members().iter().enumerate() {
                        let v = b.members()[beta[j]];
                        clash |= fixed[y].is_some_and(|u| u != v);
                        fixed[y] = Some(v);
                    }
                    let mut found: Vec<Vec<usize>> = Vec::new();
                    if !clash {
                        for choice in all_maps(free.len(), joined.len()) {
                            let mut g = fixed.clone();
                            for (k, &x) in free.iter().enumerate() {
                                g[x] = Some(joined[choice[k]]);
                            }
                            let ok = joined.iter().all(|&x| {
                                joined.iter().all(|&y| g[s.apply(0, &[x, y])] == s.apply(0, &[g[x].unwrap(), g[y].unwrap()]).into())
                            });
                            if ok {
                                found.push(joined.iter().map(|&x| g[x].unwrap()).collect());
                            }
                        }
                    }
                    let alpha_h = Homomorphism::new(&sa, &sa, alpha.clone(), Mode::Weak)?;
                    let beta_h = Homomorphism::new(&sb, &sb, beta.clone(), Mode::Weak)?;
                    let verdict = joint_extension(&s, a, b, &alpha_h, &beta_h)?;
                    let ok = match &verdict {
                        JointExtension::Extended { join, gamma } => {
                            extended += 1;
                            let gamma: Vec<usize> = gamma.map().iter().map(|&i| join.members()[i]).collect();
                            found == [gamma]
                        }
                        JointExtension::Refused(_) => found.is_empty(),
                    };
                    tally.check(ok, || {
                        format!("{} A={:?} B={:?} alpha={alpha:?} beta={beta:?}: {} extensions by search", s.name(), a.members(), b.members(), found.len())
                    });
                }
            }
        }
    }
    let (passed, detail) = tally.finish("endomorphism pairs");
    Ok((passed, format!("{detail} ({extended} with an extension)")))
}

/// Every partition of `0..n` as a restricted growth string.
fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(labels: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if labels.len() == n {
            out.push(labels.clone());
            return;
        }
        let next = labels.iter().max().map_or(0, |m| m + 1);
        for l in 0..=next {
            labels.push(l);
            go(labels, n, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

/// Partitions compatible with every operation, by comparing all pairs of
/// argument tuples.
fn naive_congruences(s: &Structure) -> Vec<Vec<usize>> {
    all_partitions(s.size())
        .into_iter()
        .filter(|labels| {
            s.signature().ops().iter().enumerate().all(|(op, sym)| {
                let tuples: Vec<Vec<usize>> = {
                    let mut all = Vec::new();
                    let mut it = AllTuples::new(s.size(), sym.arity);
                    while let Some(t) = it.next_tuple() {
                        all.push(t.to_vec());
                    }
                    all
                };
                tuples.iter().all(|x| {
                    tuples.iter().all(|y| {
                        x.iter().zip(y).any(|(u, v)| labels[*u] != labels[*v])
                            || labels[s.apply(op, x)] == labels[s.apply(op, y)]
                    })
                })
            })
        })
        .collect()
}

fn naive_congruence_independent(s: &Structure, a: &SubUniverse, b: &SubUniverse) -> Result<bool> {
    let seed: Vec<usize> = a.members().iter().chain(b.members()).copied().collect();
    let joined = SubUniverse::new(s, naive_closure(s, &seed))?;
    let (js, _) = induced_substructure(s, &joined)?;
    let (sa, _) = induced_substructure(s, a)?;
    let (sb, _) = induced_substructure(s, b)?;
    let pos = |sub: &SubUniverse| -> Vec<usize> { sub.members().iter().map(|&x| joined.index_of(x).unwrap()).collect() };
    let (pa, pb) = (pos(a), pos(b));
    let con_join: Vec<Congruence> = naive_congruences(&js).iter().map(|l| Congruence::from_labels(l)).collect();
    let restricted: Vec<(Congruence, Congruence)> = con_join.iter().map(|t| (t.restrict(&pa), t.restrict(&pb))).collect();
    for ta in naive_congruences(&sa) {
        for tb in naive_congruences(&sb) {
            let want = (Congruence::from_labels(&ta), Congruence::from_labels(&tb));
            if !restricted.contains(&want) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn congruence_independence() -> Result<(bool, String)> {
    let exhaustive = CongruenceOptions { max_size: LATTICE_BOUND, early_exit: false };
    let mut overlap = Tally::default();
    let mut structures = vec![Structure::set(5)?];
    let families = [
        Family::VectorSpace { p: 2, dim: 3 },
        Family::VectorSpace { p: 3, dim: 2 },
        Family::PowersetBooleanAlgebra(4),
        Family::CyclicGroup(4),
        Family::CyclicGroup(6),
        Family::CyclicGroup(8),
        Family::CyclicGroup(9),
        Family::CyclicGroup(12),
        Family::SymmetricGroup(3),
        Family::DihedralGroup(4),
        Family::QuaternionGroup,
        Family::AlternatingGroup(4),
    ];
    for f in families {
        structures.push(build(&f)?.0);
    }
    for s in &structures {
        let subs = all_subuniverses(s);
        for a in &subs {
            for b in &subs {
                if a.intersection(b).len() < 2 {
                    continue;
                }
                let v = decide_congruence_independence(s, a, b, exhaustive)?;
                overlap.check(!v.is_independent(), || format!("(a) {} A={} B={}", s.name(), show(s, a), show(s, b)));
            }
        }
    }

    let mut tally = Tally::default();
    let x = Structure::set(2)?;
    let (a, b) = (SubUniverse::new(&x, [0])?, SubUniverse::new(&x, [0, 1])?);
    let cong = decide_congruence_independence(&x, &a, &b, CongruenceOptions::default())?.is_independent();
    let sub = subalgebra_independent(&x, &a, &b)?;
    tally.check(cong && !sub, || format!("(b) A={{a}} B={{a,b}}: congruence={cong}, subalgebra={sub}"));

    for i in 0..RANDOM_ALGEBRAS {
        let s = random_algebra(RANDOM_SEED + 1000 + i)?;
        let subs = all_subuniverses(&s);
        for (ia, ib) in sampled_pairs(subs.len(), RANDOM_SEED + 1000 + i) {
            let (a, b) = (&subs[ia], &subs[ib]);
            let expected = naive_congruence_independent(&s, a, b)?;
            for options in [CongruenceOptions::default(), exhaustive] {
                let got = decide_congruence_independence(&s, a, b, options)?.is_independent();
                tally.check(got == expected, || {
                    format!("(c) {} A={:?} B={:?}: decider {got}, brute force {expected}", s.name(), a.members(), b.members())
                });
            }
        }
    }
    let (ok_a, detail_a) = overlap.finish("overlapping pairs");
    let (ok_bc, detail_bc) = tally.finish("other checks");
    Ok((ok_a && ok_bc, format!("{detail_a}; {detail_bc}")))
}

fn coproducts() -> Result<(bool, String)> {
    let sets = (1..=3).map(Structure::set).collect::<Result<Vec<_>>>()?;
    let graphs = vec![
        graph(1, &[])?,
        graph(2, &[(0, 1)])?,
        graph(3, &[(0, 1), (1, 2)])?,
        graph(3, &[(0, 1), (1, 2), (0, 2)])?,
    ];
    let cyclic = [1, 2, 3, 4].map(|n| family(Family::CyclicGroup(n))).into_iter().collect::<Result<Vec<_>>>()?;
    let f2 = [0, 1, 2].map(|d| family(Family::VectorSpace { p: 2, dim: d })).into_iter().collect::<Result<Vec<_>>>()?;
    let f3 = [0, 1].map(|d| family(Family::VectorSpace { p: 3, dim: d })).into_iter().collect::<Result<Vec<_>>>()?;
    let bas = [0, 1, 2].map(|k| family(Family::PowersetBooleanAlgebra(k))).into_iter().collect::<Result<Vec<_>>>()?;
    let cases: Vec<(CategoryTag, &[Structure], Vec<(usize, usize)>)> = vec![
        (CategoryTag::Set, &sets, vec![(0, 1), (1, 1), (1, 2), (2, 2)]),
        (CategoryTag::Graph, &graphs, vec![(0, 1), (1, 1), (1, 3), (2, 3)]),
        (CategoryTag::AbelianGroup, &cyclic, vec![(0, 1), (1, 1), (1, 2), (2, 1)]),
        (CategoryTag::VectorSpace { p: 2 }, &f2, vec![(0, 2), (1, 1)]),
        (CategoryTag::VectorSpace { p: 3 }, &f3, vec![(0, 1), (1, 0)]),
        (CategoryTag::BooleanAlgebra, &bas, vec![(1, 1), (1, 2), (2, 1), (2, 2)]),
    ];
    let mut sub = Tally::default();
    let mut cong = Tally::default();
    let mut universal = Tally::default();
    let mut quotient = Tally::default();
    let options = CongruenceOptions { max_size: LATTICE_BOUND, ..CongruenceOptions::default() };
    for (tag, instances, pairs) in cases {
        let targets: Vec<Structure> = instances.iter().filter(|s| s.size() <= 6).cloned().collect();
        for (i, j) in pairs {
            let (x, y) = (&instances[i], &instances[j]);
            let what = format!("{tag} {} + {}", x.name(), y.name());
            let cop = coproduct(tag, x, y)?;
            let c = &cop.structure;
            let a = SubUniverse::new(c, cop.left.map().iter().copied())?;
            let b = SubUniverse::new(c, cop.right.map().iter().copied())?;
            sub.check(subalgebra_independent(c, &a, &b)?, || format!("{what}: subalgebra"));
            let v = decide_congruence_independence(c, &a, &b, options)?;
            cong.check(v.is_independent(), || format!("{what}: congruence, witness {:?}", v.witness()));
            universal.check(crate::zoo::verify_coproduct_property(x, y, &cop, &targets)?, || format!("{what}: universal property"));
            let cq = canonical_quotient(c, &a, &b, tag)?;
            let injective_on = |h: &Homomorphism| {
                let images = h.then(&cq.q);
                images.is_injective()
            };
            let ok = cq.q.is_surjective() && injective_on(&cq.coproduct.left) && injective_on(&cq.coproduct.right);
            quotient.check(ok, || format!("{what}: canonical map"));
        }
    }
    let parts = [
        sub.finish("subalgebra-independence checks"),
        cong.finish("congruence-independence checks"),
        universal.finish("universal-property checks"),
        quotient.finish("canonical-map checks"),
    ];
    let passed = parts.iter().all(|p| p.0);
    Ok((passed, parts.map(|p| p.1).join("; ")))
}

fn rigid_graphs() -> Result<(bool, String)> {
    let fixture = RigidGraph::fixture();
    let g = fixture.structure()?;
    let endos = enumerate_homs(&g, &g, Mode::Weak)?.count();
    let mut tally = Tally::default();
    tally.check(endos == 1 && fixture.weak_endomorphism_count == 1, || {
        format!("stored graph has {endos} weak endomorphisms")
    });
    let (union, a, b) = glue_at_vertex(&g, 0)?;
    for mode in [Mode::Weak, Mode::Strong] {
        let v = decide_subalgebra_independence(&union, &a, &b, HomClass::AllEndomorphisms, mode)?;
        tally.check(v.is_independent(), || format!("copies sharing a vertex are not {mode}-independent"));
    }
    let cop = coproduct(CategoryTag::Graph, &g, &g)?;
    let iso = find_isomorphism(&union, &cop.structure).is_some();
    tally.check(!iso, || "union is isomorphic to the coproduct".into());
    let (passed, detail) = tally.finish("graph checks");
    Ok((passed, format!("{detail} ({} vertices, seed {})", fixture.vertices, fixture.seed)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts_are_bell_numbers() {
        let counts: Vec<usize> = (1..=6).map(|n| all_partitions(n).len()).collect();
        assert_eq!(counts, [1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn naive_congruences_of_small_groups() {
        let z6 = build(&Family::CyclicGroup(6)).unwrap().0;
        assert_eq!(naive_congruences(&z6).len(), 4);
        let z5 = build(&Family::CyclicGroup(5)).unwrap().0;
        assert_eq!(naive_congruences(&z5).len(), 2);
    }

    #[test]
    fn random_algebras_are_deterministic() {
        assert_eq!(random_algebra(3).unwrap(), random_algebra(3).unwrap());
        assert!((1..=6).contains(&random_algebra(3).unwrap().size()));
    }

    #[test]
    fn unknown_criterion() {
        assert!(run(10).is_none());
        assert_eq!(criterion_ids().count(), 9);
    }
}
