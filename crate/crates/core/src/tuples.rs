//! Index-tuple enumeration shared by the closure and search routines.

/// All tuples over `0..n` of the given arity, in lexicographic order.
pub(crate) struct AllTuples {
    n: usize,
    idx: Vec<usize>,
    state: State,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

impl AllTuples {
    pub(crate) fn new(n: usize, arity: usize) -> Self {
        let state = if n == 0 && arity > 0 { State::Done } else { State::Fresh };
        AllTuples { n, idx: vec![0; arity], state }
    }

    pub(crate) fn next_tuple(&mut self) -> Option<&[usize]> {
        match self.state {
            State::Done => return None,
            State::Fresh => {
                self.state = State::Running;
                return Some(&self.idx);
            }
            State::Running => {}
        }
        for pos in (0..self.idx.len()).rev() {
            self.idx[pos] += 1;
            if self.idx[pos] < self.n {
                return Some(&self.idx);
            }
            self.idx[pos] = 0;
        }
        self.state = State::Done;
        None
    }
}

/// Tuples over `0..=k` whose largest coordinate is exactly `k`.
///
/// Summed over `k = 0..n` these visit every tuple over `0..n` once, which is
/// what makes the semi-naive closure loops exact.
pub(crate) struct FrontierTuples {
    k: usize,
    split: usize,
    idx: Vec<usize>,
    state: State,
}

impl FrontierTuples {
    pub(crate) fn new(k: usize, arity: usize) -> Self {
        FrontierTuples { k, split: 0, idx: vec![0; arity], state: State::Fresh }
    }

    // `split` is the first position holding `k`; earlier positions range over
    // `0..k`, later ones over `0..=k`.
    fn reset_split(&mut self) -> bool {
        let arity = self.idx.len();
        if self.split >= arity || (self.split > 0 && self.k == 0) {
            return false;
        }
        self.idx.iter_mut().for_each(|v| *v = 0);
        self.idx[self.split] = self.k;
        true
    }

    pub(crate) fn next_tuple(&mut self) -> Option<&[usize]> {
        match self.state {
            State::Done => return None,
            State::Fresh => {
                self.state = State::Running;
                if self.reset_split() {
                    return Some(&self.idx);
                }
                self.state = State::Done;
                return None;
            }
            State::Running => {}
        }
        for pos in (0..self.idx.len()).rev() {
            if pos == self.split {
                continue;
            }
            let bound = if pos < self.split { self.k } else { self.k + 1 };
            self.idx[pos] += 1;
            if self.idx[pos] < bound {
                return Some(&self.idx);
            }
            self.idx[pos] = 0;
        }
        self.split += 1;
        if self.reset_split() {
            Some(&self.idx)
        } else {
            self.state = State::Done;
            None
        }
    }
}

/// Row-major position of `args` in an operation table over a universe of size `n`.
pub(crate) fn table_index(args: &[usize], n: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}
