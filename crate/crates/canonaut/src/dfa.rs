//! Total deterministic finite automata.

use fixedbitset::FixedBitSet;
use std::collections::VecDeque;

use crate::alphabet::Alphabet;
use crate::bits;
use crate::error::Error;
use crate::Result;

/// A total DFA. `delta[q][a]` is defined for every state `q` and every symbol
/// index `a`. A DFA flagged minimal has all states reachable from the initial
/// state and no two distinct states accepting the same language; [`Dfa::minimize`]
/// is the only public way to obtain the flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: usize,
    finals: FixedBitSet,
    delta: Vec<Vec<usize>>,
    minimal: bool,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        initial: usize,
        finals: impl IntoIterator<Item = usize>,
        delta: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = delta.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton(
                "a DFA needs at least one state".into(),
            ));
        }
        if initial >= n {
            return Err(Error::InvalidAutomaton(format!(
                "initial state {initial} out of range (states = {n})"
            )));
        }
        let mut fin = bits::empty(n);
        for q in finals {
            if q >= n {
                return Err(Error::InvalidAutomaton(format!(
                    "final state {q} out of range (states = {n})"
                )));
            }
            fin.insert(q);
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::InvalidAutomaton(format!(
                    "state {q} has {} transitions, expected one per symbol ({})",
                    row.len(),
                    alphabet.len()
                )));
            }
            for (a, &t) in row.iter().enumerate() {
                if t >= n {
                    return Err(Error::InvalidAutomaton(format!(
                        "transition ({q}, '{}') targets state {t} out of range",
                        alphabet.symbol(a)
                    )));
                }
            }
        }
        Ok(Dfa {
            alphabet,
            initial,
            finals: fin,
            delta,
            minimal: false,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.contains(q)
    }

    pub fn finals(&self) -> &FixedBitSet {
        &self.finals
    }

    pub fn step(&self, q: usize, symbol: usize) -> usize {
        self.delta[q][symbol]
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// Runs a pre-encoded word from an arbitrary state.
    pub fn run_from(&self, start: usize, word: &[usize]) -> usize {
        word.iter().fold(start, |q, &a| self.delta[q][a])
    }

    pub fn accepts_indices(&self, word: &[usize]) -> bool {
        self.finals.contains(self.run_from(self.initial, word))
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        Ok(self.accepts_indices(&self.alphabet.encode(word)?))
    }

    /// States reachable from `initial`, in BFS order (symbols in alphabet order).
    fn reachable_order(&self) -> Vec<usize> {
        let n = self.state_count();
        let mut seen = vec![false; n];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen[self.initial] = true;
        queue.push_back(self.initial);
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for a in 0..self.alphabet.len() {
                let t = self.delta[q][a];
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        order
    }

    /// Minimal DFA for the same language: reachability pruning, Hopcroft
    /// partition refinement, then canonical BFS renumbering so that equal
    /// languages yield identical serialized automata.
    pub fn minimize(&self) -> Dfa {
        let order = self.reachable_order();
        let mut old_to_new = vec![usize::MAX; self.state_count()];
        for (new, &old) in order.iter().enumerate() {
            old_to_new[old] = new;
        }
        let n = order.len();
        let k = self.alphabet.len();
        let delta: Vec<Vec<usize>> = order
            .iter()
            .map(|&old| (0..k).map(|a| old_to_new[self.delta[old][a]]).collect())
            .collect();
        let finals: Vec<usize> = order
            .iter()
            .enumerate()
            .filter(|(_, &old)| self.finals.contains(old))
            .map(|(new, _)| new)
            .collect();
        let finset = bits::from_indices(n, finals.iter().copied());

        let block_of = hopcroft(n, k, &delta, &finset);
        let block_count = block_of.iter().copied().max().map_or(0, |m| m + 1);

        // Quotient automaton over blocks.
        let mut repr = vec![usize::MAX; block_count];
        for q in 0..n {
            if repr[block_of[q]] == usize::MAX {
                repr[block_of[q]] = q;
            }
        }
        let qdelta: Vec<Vec<usize>> = (0..block_count)
            .map(|b| (0..k).map(|a| block_of[delta[repr[b]][a]]).collect())
            .collect();
        let qfinals: Vec<usize> = (0..block_count).filter(|&b| finset.contains(repr[b])).collect();
        let qinitial = block_of[0];

        let (order2, renum) = bfs_numbering(block_count, k, &qdelta, qinitial);
        let delta2: Vec<Vec<usize>> = order2
            .iter()
            .map(|&b| (0..k).map(|a| renum[qdelta[b][a]]).collect())
            .collect();
        let finals2 = qfinals.into_iter().map(|b| renum[b]);
        let mut out = Dfa::new(self.alphabet.clone(), 0, finals2, delta2)
            .expect("quotient automaton is well formed");
        out.minimal = true;
        out
    }

    /// Quotient of a multi-rooted deterministic transition structure by
    /// language equivalence. All states reachable from some root are kept;
    /// no two remaining states are equivalent. Returns the quotient (states
    /// renumbered by BFS from the roots, in root order) and the class of each
    /// root. The result is observable but not flagged minimal, since it may
    /// have several roots instead of one initial state.
    pub(crate) fn observable_quotient(
        alphabet: Alphabet,
        delta: Vec<Vec<usize>>,
        finals: &FixedBitSet,
        roots: &[usize],
    ) -> (Dfa, Vec<usize>) {
        let n = delta.len();
        let k = alphabet.len();
        debug_assert!(n > 0);
        let block_of = hopcroft(n, k, &delta, finals);
        let block_count = block_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut repr = vec![usize::MAX; block_count];
        for q in 0..n {
            if repr[block_of[q]] == usize::MAX {
                repr[block_of[q]] = q;
            }
        }
        let qdelta: Vec<Vec<usize>> = (0..block_count)
            .map(|b| (0..k).map(|a| block_of[delta[repr[b]][a]]).collect())
            .collect();

        // BFS renumbering from the root classes, in root order.
        let mut renum = vec![usize::MAX; block_count];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        for &r in roots {
            let b = block_of[r];
            if renum[b] == usize::MAX {
                renum[b] = order.len();
                order.push(b);
                queue.push_back(b);
            }
        }
        while let Some(b) = queue.pop_front() {
            for a in 0..k {
                let t = qdelta[b][a];
                if renum[t] == usize::MAX {
                    renum[t] = order.len();
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        let m = order.len();
        let delta2: Vec<Vec<usize>> = order
            .iter()
            .map(|&b| (0..k).map(|a| renum[qdelta[b][a]]).collect())
            .collect();
        let finals2: Vec<usize> = order
            .iter()
            .enumerate()
            .filter(|(_, &b)| finals.contains(repr[b]))
            .map(|(i, _)| i)
            .collect();
        let initial = if roots.is_empty() { 0 } else { renum[block_of[roots[0]]] };
        debug_assert!(m > 0);
        let dfa = Dfa::new(alphabet, initial, finals2, delta2)
            .expect("quotient automaton is well formed");
        let marks = roots.iter().map(|&r| renum[block_of[r]]).collect();
        (dfa, marks)
    }

    /// Restriction of this DFA to the part reachable from `start`, with
    /// canonical BFS numbering. Used to extract per-state languages from a
    /// shared observable automaton; the result is flagged minimal when `self`
    /// is observable.
    pub(crate) fn reachable_from(&self, start: usize, observable: bool) -> Dfa {
        let k = self.alphabet.len();
        let mut renum = vec![usize::MAX; self.state_count()];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        renum[start] = 0;
        order.push(start);
        queue.push_back(start);
        while let Some(q) = queue.pop_front() {
            for a in 0..k {
                let t = self.delta[q][a];
                if renum[t] == usize::MAX {
                    renum[t] = order.len();
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        let delta: Vec<Vec<usize>> = order
            .iter()
            .map(|&q| (0..k).map(|a| renum[self.delta[q][a]]).collect())
            .collect();
        let finals = order
            .iter()
            .enumerate()
            .filter(|(_, &q)| self.finals.contains(q))
            .map(|(i, _)| i);
        let mut out =
            Dfa::new(self.alphabet.clone(), 0, finals, delta).expect("restriction is well formed");
        out.minimal = observable;
        out
    }
}

/// BFS numbering of a deterministic transition table from `initial`,
/// exploring symbols in alphabet order. Returns visit order and the
/// old-index -> new-index map. All states are assumed reachable.
fn bfs_numbering(
    n: usize,
    k: usize,
    delta: &[Vec<usize>],
    initial: usize,
) -> (Vec<usize>, Vec<usize>) {
    let mut renum = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    renum[initial] = 0;
    order.push(initial);
    queue.push_back(initial);
    while let Some(q) = queue.pop_front() {
        for a in 0..k {
            let t = delta[q][a];
            if renum[t] == usize::MAX {
                renum[t] = order.len();
                order.push(t);
                queue.push_back(t);
            }
        }
    }
    debug_assert_eq!(order.len(), n, "bfs_numbering expects a reachable automaton");
    (order, renum)
}

/// Hopcroft's partition refinement. Returns the block id of every state;
/// two states get the same id iff they accept the same language.
fn hopcroft(n: usize, k: usize, delta: &[Vec<usize>], finals: &FixedBitSet) -> Vec<usize> {
    // pre[a][q] = states p with delta[p][a] == q
    let mut pre: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; k];
    for q in 0..n {
        for a in 0..k {
            pre[a][delta[q][a]].push(q);
        }
    }

    let mut block_of = vec![0usize; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let fin: Vec<usize> = (0..n).filter(|&q| finals.contains(q)).collect();
    let non: Vec<usize> = (0..n).filter(|&q| !finals.contains(q)).collect();
    for part in [fin, non] {
        if !part.is_empty() {
            let id = blocks.len();
            for &q in &part {
                block_of[q] = id;
            }
            blocks.push(part);
        }
    }

    let mut work: VecDeque<(usize, usize)> = VecDeque::new();
    let mut in_work: Vec<Vec<bool>> = blocks.iter().map(|_| vec![true; k]).collect();
    for b in 0..blocks.len() {
        for a in 0..k {
            work.push_back((b, a));
        }
    }

    while let Some((splitter, a)) = work.pop_front() {
        in_work[splitter][a] = false;
        // States that step into the splitter block on `a`.
        let mut marked: Vec<Vec<usize>> = vec![Vec::new(); blocks.len()];
        let mut touched: Vec<usize> = Vec::new();
        for &s in &blocks[splitter] {
            for &p in &pre[a][s] {
                let b = block_of[p];
                if marked[b].is_empty() {
                    touched.push(b);
                }
                marked[b].push(p);
            }
        }
        for b in touched {
            if marked[b].len() == blocks[b].len() {
                continue; // nothing split off
            }
            let hit = std::mem::take(&mut marked[b]);
            let new_id = blocks.len();
            let mut in_hit = vec![false; n];
            for &p in &hit {
                in_hit[p] = true;
            }
            blocks[b].retain(|&p| !in_hit[p]);
            for &p in &hit {
                block_of[p] = new_id;
            }
            blocks.push(hit);
            in_work.push(vec![false; k]);
            for c in 0..k {
                if in_work[b][c] {
                    work.push_back((new_id, c));
                    in_work[new_id][c] = true;
                } else {
                    // enqueue the smaller half
                    let smaller = if blocks[b].len() <= blocks[new_id].len() { b } else { new_id };
                    work.push_back((smaller, c));
                    in_work[smaller][c] = true;
                }
            }
        }
    }
    block_of
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The minimal DFA for (a+b)*a: state 0 non-final, state 1 final.
    pub(crate) fn ends_in_a() -> Dfa {
        let ab = Alphabet::from_str("ab").unwrap();
        let mut d = Dfa::new(ab, 0, [1], vec![vec![1, 0], vec![1, 0]]).unwrap();
        d.minimal = true;
        d
    }

    #[test]
    fn accepts_figure_words() {
        let d = ends_in_a();
        assert!(d.accepts("ba").unwrap());
        assert!(!d.accepts("").unwrap());
        assert!(d.accepts("a").unwrap());
        assert!(!d.accepts("ab").unwrap());
    }

    #[test]
    fn empty_word_acceptance_is_initial_finality() {
        let ab = Alphabet::from_str("ab").unwrap();
        let d = Dfa::new(ab, 0, [0], vec![vec![0, 0]]).unwrap();
        assert!(d.accepts("").unwrap());
    }

    #[test]
    fn rejects_unknown_symbol() {
        let d = ends_in_a();
        assert!(matches!(
            d.accepts("ax"),
            Err(Error::UnknownSymbol { symbol: 'x', .. })
        ));
    }

    #[test]
    fn minimize_merges_equivalent_finals() {
        // 4-state DFA with two language-equivalent final states.
        let ab = Alphabet::from_str("ab").unwrap();
        let d = Dfa::new(
            ab,
            0,
            [1, 2],
            vec![vec![1, 2], vec![3, 3], vec![3, 3], vec![3, 3]],
        )
        .unwrap();
        let m = d.minimize();
        assert_eq!(m.state_count(), 3);
        assert!(m.is_minimal());
    }

    #[test]
    fn minimize_is_idempotent_and_canonical() {
        let d = ends_in_a();
        let m1 = d.minimize();
        let m2 = m1.minimize();
        assert_eq!(m1, m2);
        assert_eq!(m1.state_count(), 2);
        // Canonical form of the figure automaton.
        assert_eq!(m1.initial(), 0);
        assert!(!m1.is_final(0) && m1.is_final(1));
        assert_eq!(m1.step(0, 0), 1);
        assert_eq!(m1.step(0, 1), 0);
        assert_eq!(m1.step(1, 0), 1);
        assert_eq!(m1.step(1, 1), 0);
    }

    #[test]
    fn minimize_prunes_unreachable() {
        let ab = Alphabet::from_str("ab").unwrap();
        // State 2 is unreachable.
        let d = Dfa::new(ab, 0, [1], vec![vec![1, 0], vec![1, 0], vec![2, 2]]).unwrap();
        assert_eq!(d.minimize().state_count(), 2);
    }

    #[test]
    fn distinct_minimal_states_are_distinguished_by_short_words() {
        let d = ends_in_a();
        let m = d.minimize();
        let n = m.state_count();
        // every pair distinguished by some word of length < n
        for p in 0..n {
            for q in (p + 1)..n {
                let mut found = false;
                let mut words: Vec<Vec<usize>> = vec![vec![]];
                for w in &words {
                    if m.finals.contains(m.run_from(p, w)) != m.finals.contains(m.run_from(q, w)) {
                        found = true;
                    }
                }
                let mut len = 0;
                while !found && len + 1 < n {
                    len += 1;
                    let mut next = Vec::new();
                    for w in &words {
                        for a in 0..m.alphabet.len() {
                            let mut v = w.clone();
                            v.push(a);
                            if m.finals.contains(m.run_from(p, &v))
                                != m.finals.contains(m.run_from(q, &v))
                            {
                                found = true;
                            }
                            next.push(v);
                        }
                    }
                    words = next;
                }
                assert!(found, "states {p} and {q} not distinguished");
            }
        }
    }
}

#[cfg(test)]
pub(crate) use tests::ends_in_a;
