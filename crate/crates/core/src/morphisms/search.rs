//! Backtracking over a generating set with closure propagation.

use crate::generation::closure_mask;
use crate::structure::Structure;
use crate::tuples::FrontierTuples;

use super::{Homomorphism, Mode};

/// Why a partial map cannot be extended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Clash {
    Conflict { element: usize, first: usize, second: usize },
    Relation { tuple: Vec<usize> },
    NotInjective,
    Disallowed,
}

#[derive(Clone, Copy)]
pub(crate) struct Constraints<'a> {
    /// `None` skips relation checks entirely.
    pub relations: Option<Mode>,
    pub injective: bool,
    pub allowed: Option<&'a [Vec<bool>]>,
}

impl Constraints<'_> {
    pub(crate) fn plain(mode: Mode) -> Self {
        Constraints { relations: Some(mode), injective: false, allowed: None }
    }
}

/// A partial map whose graph is closed under the operations of both sides.
#[derive(Debug, Clone)]
pub(crate) struct PartialMap {
    map: Vec<Option<usize>>,
    preimage: Vec<Option<usize>>,
    order: Vec<usize>,
    processed: usize,
    rel_checked: usize,
}

impl PartialMap {
    /// The map forced by the constants alone.
    pub(crate) fn new(dom: &Structure, cod: &Structure, c: &Constraints) -> Result<Self, Clash> {
        let mut pm = PartialMap {
            map: vec![None; dom.size()],
            preimage: vec![None; cod.size()],
            order: Vec::new(),
            processed: 0,
            rel_checked: 0,
        };
        for (op, sym) in dom.signature().ops().iter().enumerate() {
            if sym.arity == 0 {
                pm.insert(dom.apply(op, &[]), cod.apply(op, &[]), c)?;
            }
        }
        pm.settle(dom, cod, c)?;
        Ok(pm)
    }

    pub(crate) fn get(&self, x: usize) -> Option<usize> {
        self.map[x]
    }

    pub(crate) fn is_total(&self) -> bool {
        self.order.len() == self.map.len()
    }

    pub(crate) fn domain(&self) -> &[usize] {
        &self.order
    }

    pub(crate) fn insert(&mut self, x: usize, y: usize, c: &Constraints) -> Result<(), Clash> {
        match self.map[x] {
            Some(prev) if prev == y => Ok(()),
            Some(prev) => Err(Clash::Conflict { element: x, first: prev, second: y }),
            None => {
                if let Some(allowed) = c.allowed {
                    if !allowed[x][y] {
                        return Err(Clash::Disallowed);
                    }
                }
                if c.injective && self.preimage[y].is_some() {
                    return Err(Clash::NotInjective);
                }
                self.map[x] = Some(y);
                self.preimage[y] = Some(x);
                self.order.push(x);
                Ok(())
            }
        }
    }

    /// Closes the graph under the operations, then checks relation tuples
    /// that involve newly mapped elements.
    pub(crate) fn settle(&mut self, dom: &Structure, cod: &Structure, c: &Constraints) -> Result<(), Clash> {
        let sig = dom.signature();
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        while self.processed < self.order.len() {
            let k = self.processed;
            for (op, sym) in sig.ops().iter().enumerate() {
                if sym.arity == 0 {
                    continue;
                }
                let mut tuples = FrontierTuples::new(k, sym.arity);
                while let Some(t) = tuples.next_tuple() {
                    xs.clear();
                    ys.clear();
                    for &i in t {
                        let x = self.order[i];
                        xs.push(x);
                        ys.push(self.map[x].expect("ordered elements are mapped"));
                    }
                    self.insert(dom.apply(op, &xs), cod.apply(op, &ys), c)?;
                }
            }
            self.processed += 1;
        }
        if let Some(mode) = c.relations {
            while self.rel_checked < self.order.len() {
                let k = self.rel_checked;
                for (rel, sym) in sig.rels().iter().enumerate() {
                    let mut tuples = FrontierTuples::new(k, sym.arity);
                    while let Some(t) = tuples.next_tuple() {
                        xs.clear();
                        ys.clear();
                        for &i in t {
                            let x = self.order[i];
                            xs.push(x);
                            ys.push(self.map[x].expect("ordered elements are mapped"));
                        }
                        let before = dom.holds(rel, &xs);
                        let after = cod.holds(rel, &ys);
                        let broken = match mode {
                            Mode::Weak => before && !after,
                            Mode::Strong => before != after,
                        };
                        if broken {
                            return Err(Clash::Relation { tuple: xs.clone() });
                        }
                    }
                }
                self.rel_checked += 1;
            }
        }
        Ok(())
    }

    pub(crate) fn into_total(self) -> Option<Vec<usize>> {
        self.map.into_iter().collect()
    }
}

/// Greedy generating set: repeatedly add the element whose closure together
/// with the current generators is largest, lowest index on ties.
pub(crate) fn greedy_generators(s: &Structure) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut covered = closure_mask(s, &[]);
    let count = |m: &[bool]| m.iter().filter(|&&b| b).count();
    while count(&covered) < s.size() {
        let mut best: Option<(usize, Vec<bool>)> = None;
        for x in (0..s.size()).filter(|&x| !covered[x]) {
            let mut seed = gens.clone();
            seed.push(x);
            let mask = closure_mask(s, &seed);
            if best.as_ref().is_none_or(|(_, m)| count(&mask) > count(m)) {
                best = Some((x, mask));
            }
        }
        let (x, mask) = best.expect("an uncovered element exists");
        gens.push(x);
        covered = mask;
    }
    gens
}

struct Frame {
    partial: PartialMap,
    next_image: usize,
}

/// Depth-first stream of homomorphisms, in lexicographic order of
/// (generator index, image).
pub struct HomSearch<'a> {
    dom: &'a Structure,
    cod: &'a Structure,
    mode: Mode,
    injective: bool,
    allowed: Option<Vec<Vec<bool>>>,
    gens: Vec<usize>,
    stack: Vec<Frame>,
}

impl<'a> HomSearch<'a> {
    pub(crate) fn new(
        dom: &'a Structure,
        cod: &'a Structure,
        mode: Mode,
        injective: bool,
        allowed: Option<Vec<Vec<bool>>>,
    ) -> Self {
        let mut search = HomSearch { dom, cod, mode, injective, allowed, gens: greedy_generators(dom), stack: Vec::new() };
        if let Ok(root) = PartialMap::new(dom, cod, &search.constraints()) {
            search.stack.push(Frame { partial: root, next_image: 0 });
        }
        search
    }

    fn constraints(&self) -> Constraints<'_> {
        Constraints { relations: Some(self.mode), injective: self.injective, allowed: self.allowed.as_deref() }
    }
}

impl Iterator for HomSearch<'_> {
    type Item = Homomorphism;

    fn next(&mut self) -> Option<Homomorphism> {
        loop {
            let depth = self.stack.len().checked_sub(1)?;
            if depth == self.gens.len() {
                let frame = self.stack.pop().expect("non-empty stack");
                let map = frame.partial.into_total().expect("generators cover the domain");
                return Some(Homomorphism::from_parts(map, self.cod.size(), self.mode));
            }
            let frame = self.stack.last_mut().expect("non-empty stack");
            if frame.next_image >= self.cod.size() {
                self.stack.pop();
                continue;
            }
            let image = frame.next_image;
            frame.next_image += 1;
            let mut partial = frame.partial.clone();
            let gen = self.gens[depth];
            let c = Constraints { relations: Some(self.mode), injective: self.injective, allowed: self.allowed.as_deref() };
            if partial.insert(gen, image, &c).and_then(|_| partial.settle(self.dom, self.cod, &c)).is_ok() {
                debug_assert!(depth + 1 < self.gens.len() || partial.is_total());
                self.stack.push(Frame { partial, next_image: 0 });
            }
        }
    }
}
